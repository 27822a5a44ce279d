#!/usr/bin/env python3
"""
Setup script for BCS Spin Entanglement

This allows the package to be installed with pip.
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="bcs-spin-entanglement",
    version="1.0.0",
    description="Spin entanglement, effective temperatures and area law of the BCS ground state",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
    ],
    extras_require={
        "test": ["pytest>=7.0.0", "pytest-cov>=4.1.0", "hypothesis>=6.0"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "bcs-spin-ee=bcs_spin_entanglement.main:main",
        ],
    },
)
