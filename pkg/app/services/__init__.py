"""
Suite Execution, Convergence Studies and Reports
"""
