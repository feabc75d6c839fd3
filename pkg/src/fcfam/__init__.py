"""Frankl-complete families: classification, certificates and characterization."""

__version__ = "0.1.0"
