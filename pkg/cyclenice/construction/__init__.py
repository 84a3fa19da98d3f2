"""
Construction operations, certificates, recognition and generation
"""
