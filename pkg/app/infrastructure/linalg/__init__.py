"""Exact finite-field linear algebra adapters."""
