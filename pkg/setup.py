from setuptools import setup, find_packages

with open('foldsage/requirements.txt') as f:
    required = f.read().splitlines()

setup(
    name="foldsage",
    version="0.3.0",
    packages=find_packages(exclude=["examples", "examples.*"]),
    include_package_data=True,
    install_requires=required,
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "foldsage=foldsage.cli:main",
        ]
    },
    description="Folds, neighborhood complexes and colorings of exponential graphs",
    keywords="graph homomorphism, exponential graph, neighborhood complex, chromatic number",
)
