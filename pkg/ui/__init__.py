"""OGC terminal user interface package."""
