"""PowerNet - exact polynomial compilation into rectified power unit networks."""

__version__ = "0.1.0"
