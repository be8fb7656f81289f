"""
Settings, Logging and Errors
"""
