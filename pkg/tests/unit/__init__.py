"""Unit tests for the antimagic orientation library."""
