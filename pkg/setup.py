from setuptools import setup, find_packages

setup(
    name="tpcodes",
    version="0.1.0",
    author="tpcodes developers",
    packages=find_packages(include=["tpcodes", "tpcodes.*"]),
    install_requires=[
        "numpy>=2.0",
        "rich"
    ],
    extras_require={
        "test": ["pytest", "pytest-mock"],
    },
    entry_points={
        'console_scripts': [
            'tpc=tpcodes.__main__:main',
        ],
    },
    description="tpcodes - total perfect codes in Cayley graphs",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
)
