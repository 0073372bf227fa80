"""
Configuration package for wealthmaps
"""
