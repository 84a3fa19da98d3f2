"""
Multigraph kernel and the graph algorithms built on it
"""
