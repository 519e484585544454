"""geptrace test suite."""
