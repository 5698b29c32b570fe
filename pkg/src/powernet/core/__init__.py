"""Network construction and numerics for PowerNet."""
