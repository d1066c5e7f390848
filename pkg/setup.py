import setuptools

with open("README.md", "rt") as f:
    long_description = f.read()

setuptools.setup(
    name="outermost-edge",
    version="0.1.0",
    description="Classification of (1,2)-reflective anisotropic hyperbolic lattices of rank 4",
    license="MIT license",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=['tests']),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.8',
    install_requires=['pyparsing>=3.1', 'sympy>=1.13', 'mpmath>=1.3', 'networkx>=2.8', 'numpy>=1.22'],
    entry_points={'console_scripts': ['outermost=outermost.cli:main']},
)
