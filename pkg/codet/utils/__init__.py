"""Utility functions for codet."""
