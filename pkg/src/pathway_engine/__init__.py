"""Information-pathway analytics engine.

Builds news-organization communities from repost behaviour, constructs and
forecasts information propagation graphs, scores user susceptibility and
extracts event mentions from post text.  Exposed as a library, a CLI and an
HTTP service (``pathway_engine.service``).
"""

__version__ = "0.1.0"
