"""OGC test suite."""
