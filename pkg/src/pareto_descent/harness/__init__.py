"""Benchmarks, trajectory diagnostics, file formats and the CLI."""
