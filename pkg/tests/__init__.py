"""Tests for codet."""
