"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as file_readme:
    readme = file_readme.read()


setup(
    author="scikit-malleable developers",
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering',
        'Topic :: System :: Operating System Kernels',
    ],

    description="Malleable gang scheduling of periodic tasks with frequency scaling, based on NumPy arrays.",
    long_description=readme,

    name='scikit-malleable',
    keywords='scikit-malleable real-time scheduling dvfs',

    packages=find_packages(exclude=['tests*']),

    package_data={
        'skmalleable': ['py.typed'],  # Needed for distributing type annotations.
        'skmalleable.tests.unit.harness': ['data/*.csv'],
    },

    install_requires=[
        'matplotlib>=3.5',
        'numpy>=1.22',
        'pandas>=1.4',
        'PyYAML>=6.0',
    ],

    entry_points={
        'console_scripts': ['skmalleable=skmalleable.harness.cli:main'],
    },

    python_requires='>=3.9',
    setup_requires=['wheel'],

    include_package_data=True,
    license="BSD license",
    version='0.1.0',
    zip_safe=False,
)
