"""
Source modules for the Ideal Topology Expansion Engine.
Contains bit-vector point sets, finite topologies, ideals, ideal constructions,
enumeration, the statement verifier and the command-line front end.
"""
