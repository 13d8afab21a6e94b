from .json_encoder import JSONEncoder
from .default_handlers import DefaultHandler, ALL_HANDLERS

__all__ = ["JSONEncoder", "DefaultHandler", "ALL_HANDLERS"]
