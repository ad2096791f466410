"""
Test suite for the Ideal Topology Expansion Engine
"""
