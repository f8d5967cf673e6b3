# QRunes Toolchain
"""
Compiler toolchain for the QRunes hybrid quantum-classical language.
Parses, checks, elaborates, transpiles and simulates QRunes programs.
"""

__version__ = "0.1.0"
