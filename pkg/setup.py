from setuptools import setup, find_packages
from os import path

__version__ = "0.1.0"

here = path.abspath(path.dirname(__file__))

with open(path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

with open(path.join(here, "requirements.txt"), encoding="utf-8") as f:
    dependencies = [line.strip() for line in f if line.strip()]

setup(
    name="patchwork",
    version=__version__,
    description="Combinatorial and polynomial patchworking of real plane algebraic curves, with exact convexity certificates and a numeric verifier.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/matthewgdv/patchwork",
    license="MIT",
    classifiers=[
      "Development Status :: 3 - Alpha",
      "Intended Audience :: Science/Research",
      "Topic :: Scientific/Engineering :: Mathematics",
      "Programming Language :: Python :: 3.9",
    ],
    packages=find_packages(exclude=["tests*"]),
    install_requires=dependencies,
    setup_requires=['setuptools_scm'],
    include_package_data=True,
    entry_points={"console_scripts": ["patchwork = patchwork.cli:main"]},
    author="Matt GdV",
    author_email="matthewgdv@gmail.com"
)
