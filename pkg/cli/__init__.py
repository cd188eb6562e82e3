"""Command-line interface for codet."""
