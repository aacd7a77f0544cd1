"""Test package for the antimagic orientation library."""
