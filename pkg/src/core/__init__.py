"""
Core module - numerical building blocks of the solver, plus configuration.
"""
