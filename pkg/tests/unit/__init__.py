"""Unit tests for geptrace components."""
