"""
Tests for Scenarios, Suites and Reports
"""
