"""
=========
Utilities
=========

Cross-cutting helpers: coloured logging, the on-disk cell cache and the
parallel cell dispatcher.
"""
