"""oerdex: a FAIR learning-resource registry with faceted search."""

__version__ = "0.1.0"
