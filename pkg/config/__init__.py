"""Configuration module using Pydantic Settings."""

from config.settings import get_settings, Settings, reload_settings, validate_settings

__all__ = ["get_settings", "Settings", "reload_settings", "validate_settings"]
