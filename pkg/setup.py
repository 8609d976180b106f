from setuptools import setup, find_packages

setup(
    name="qdiscrim.trine",
    version="0.1",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=2.2,<3.0",
        "pandas>=2.2,<3.0",
        "scipy>=1.13,<2.0",
        "pyomo>=6.9,<7.0",
        "highspy>=1.10,<2.0",
    ],
    entry_points={
        "console_scripts": ["qdiscrim-trine = qdiscrim.trine.cli:main"],
    },
)
