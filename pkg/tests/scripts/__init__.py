"""
Test Suite for Command-line Scripts
"""
