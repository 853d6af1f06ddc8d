from setuptools import setup, find_packages

setup(
    name="hermite_mc",
    packages=find_packages(),
    python_requires=">=3.10",
    install_requires=[
        "tinydb>=4.8",
        "pydantic>=2.6",
        "numpy>=1.26",
        "scipy>=1.11",
    ],
    entry_points={
        "console_scripts": ["hermite-mc=src.cli.main:main"],
    },
)
