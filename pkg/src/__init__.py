"""
Modular geometric control.

Modular and adaptive geometric controllers for serial rigid-body chains,
a closed-loop simulator and a property-check suite.
"""

__version__ = "0.1.0"
__description__ = "Modular geometric control of serial chains"

# Removed imports to avoid circular dependency issues
# These should be imported directly where needed

__all__ = [
    "__version__",
    "__description__",
]
