"""
TLS Complexity test suite.
"""
