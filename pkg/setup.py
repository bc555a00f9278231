import os

from setuptools import setup, find_packages


VERSION = '0.1.0'

# Available classifiers: https://pypi.org/pypi?%3Aaction=list_classifiers
CLASSIFIERS = [
    'Development Status :: 3 - Alpha',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: Apache Software License',
    'Topic :: Scientific/Engineering :: Mathematics',
    'Topic :: System :: Networking',
    'Programming Language :: Python',
    'Programming Language :: Python :: 3 :: Only',
    'Programming Language :: Python :: 3.9',
    'Programming Language :: Python :: 3.10',
    'Programming Language :: Python :: 3.11',
    'Operating System :: OS Independent',
]


def read(fname):
    with open(os.path.join(os.path.dirname(__file__), fname), 'r') as file:
        return file.read()


requires = [
    'networkx>=3.0',
    'galois>=0.3.0',
    'numpy>=1.21',
    'pydot>=1.4',
    'stringcase>=1.2.0',
    'Click>=7.0',
]

setup(
    name='netkeycast',
    version=VERSION,
    packages=find_packages(exclude=['tests']),
    license='Apache License 2.0',
    description='Linear multiple key-cast codes over acyclic networks',
    long_description=read('README.md'),
    long_description_content_type="text/markdown",
    classifiers=CLASSIFIERS,
    python_requires=">=3.9",
    install_requires=requires,
    setup_requires=["wheel"],
    entry_points={
        'console_scripts': ['netkeycast=netkeycast.cli:main'],
    },
)
