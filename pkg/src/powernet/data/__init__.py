"""File readers, writers and the target-function registry."""
