"""
Test suite for volterraheat
"""
