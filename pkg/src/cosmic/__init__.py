"""Speculative space-news platform.

Phase 1 serves a historical space-exploration news archive; phase 2 turns
user scenarios into generated future-news items, grounded by retrieval
over the archive and a curated sci-fi reference library, and accumulates
them in the shared Future Tunnel.
"""

__version__ = "0.1.0"
