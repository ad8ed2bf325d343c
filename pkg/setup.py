"""
Setup file for banachlab
"""

from setuptools import setup, find_packages

# Read README for long description
try:
    with open("README.md", "r", encoding="utf-8") as fh:
        long_description = fh.read()
except FileNotFoundError:
    long_description = "Cones, numerical ranges, roots and ideals in finite-dimensional Banach algebras"

setup(
    name="banachlab",
    version="1.0.0",
    author="banachlab developers",
    author_email="banachlab@example.com",
    description="Accretive cones, fractional powers, support idempotents and M-ideal lifts in finite-dimensional Banach algebras",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["banachlab", "banachlab.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
    ],
    extras_require={
        "plot": ["matplotlib>=3.5"],
        "test": ["pytest>=7.0", "hypothesis>=6.0"],
        "all": ["matplotlib>=3.5", "pytest>=7.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": [
            "banachlab=banachlab.cli:main",
        ],
    },
    keywords="banach algebra, numerical range, accretive, fractional power, approximate identity, m-ideal",
)
