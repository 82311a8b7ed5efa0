from setuptools import find_packages, setup

setup(
    name="kouter",
    version="0.1.0",
    description="Tree and branch decompositions of k-outerplanar graphs",
    packages=find_packages(exclude=("tests",)),
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.26",
        "pandas>=2.2",
        "tqdm>=4.66",
        "networkx>=3.2",
    ],
    extras_require={"test": ["pytest>=8.0"]},
    entry_points={"console_scripts": ["kouter=kouter.cli:main"]},
)
