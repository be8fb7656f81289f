"""
Command-line Scripts
"""
