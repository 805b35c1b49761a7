from .model import (
    Corpus,
    CorpusError,
    DanglingReferenceError,
    DuplicateIdError,
    NewsArticle,
    Organization,
    Post,
    User,
)
from .io import ParseError, load_corpus, save_corpus
from .search import search_articles
from .synthetic import GroundTruth, SynthConfig, generate_synthetic

__all__ = [
    "Corpus",
    "CorpusError",
    "DanglingReferenceError",
    "DuplicateIdError",
    "GroundTruth",
    "NewsArticle",
    "Organization",
    "ParseError",
    "Post",
    "SynthConfig",
    "User",
    "generate_synthetic",
    "load_corpus",
    "save_corpus",
    "search_articles",
]
