"""
Test suite for the wave-manifold toolkit

Test Categories:
- domain: flux model, charts, curves, surfaces and admissibility rules
- application: oracle verifiers, registered checks and the command line
- infrastructure: configuration loading and output writers
"""
