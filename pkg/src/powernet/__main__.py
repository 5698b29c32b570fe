"""Allow running as `python -m powernet`."""

from powernet.cli import app

app()
