from .app import create_app
from .engine import EngineState

__all__ = ["EngineState", "create_app"]
