"""Tests for dclgroupoid."""
