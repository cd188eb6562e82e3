"""Built-in loss providers."""
