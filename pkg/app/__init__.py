"""
OctoGauss App Package
Scenario configuration, suite execution and report writing
"""
