from setuptools import setup, find_packages

setup(
    name="component-graphs",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    install_requires=[
        "reportlab",
        "numpy",
        "networkx>=2.5",
        "pandas"
    ],
    extras_require={
        "test": ["pytest"],
    },
    entry_points={
        "console_scripts": ["component-graphs=src.cli:main"],
    },
)
