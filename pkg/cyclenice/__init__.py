"""
Cycle-nice graph recognition toolkit
"""
