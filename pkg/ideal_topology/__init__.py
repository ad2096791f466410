"""
Ideal Topology Expansion Engine
Builds the expanded topology of a finite ideal topological space and checks
the classical expansion results exhaustively over small ground sets.
"""

__version__ = "1.0.0"
