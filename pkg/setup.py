"""
Setup shim for tools that still call setup.py.
Packaging metadata for llds lives in pyproject.toml.
"""

from setuptools import setup

setup()
