"""
Load Event Toolkit: adaptive-window event detection and load signatures
"""

__version__ = "0.1.0"
