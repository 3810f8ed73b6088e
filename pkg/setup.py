from setuptools import setup, find_packages

setup(
    name="first-passage-lab",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=1.20.0",
        "typing-extensions>=4.0.0",  # For better typing support
    ],
    entry_points={
        "console_scripts": [
            "fpl=first_passage_lab.cli:main",
        ],
    },
    description="Exact first passage statistics for fair-dice-like systems",
    long_description=open("PyPI_README.md").read(),
    long_description_content_type="text/markdown",
    keywords="first passage, hitting times, autocorrelation, symbolic dynamics, bernoulli shift, open systems, escape rate",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.8",
)
