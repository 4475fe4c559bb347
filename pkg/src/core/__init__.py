"""Core system components: logging, configuration and errors."""
