"""
Tests de selvar.
"""
