"""Acceptance tests for the antimagic orientation library."""
