"""
Infrastructure package.

Configuration documents on disk and run artifacts.
"""
