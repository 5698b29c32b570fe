"""Service layer for PowerNet."""
