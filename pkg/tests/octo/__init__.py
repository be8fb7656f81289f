"""
Test Suite for the OctoGauss Core
"""
