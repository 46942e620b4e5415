from setuptools import setup, find_packages

setup(
    name="ghimc",
    version="0.1.0",
    license="GPL v3",
    description="numerical laboratory for quaternionic surfaces with harmonic inverse mean curvature",
    packages=find_packages(exclude=["test", "test.*"]),
    install_requires=[
        "numpy",
        "scipy",
        "exdown==0.7.0"],
    entry_points={"console_scripts": ["ghimc=ghimc.cli:main"]},
)
