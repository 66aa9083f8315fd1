from setuptools import setup, find_packages

setup(
    name='formstab',
    version='0.1',
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    install_requires=[
        'click',
        'numpy',
        'PyYAML',
        'scipy',
        'tqdm',
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': [
            'formstab=formstab.cli:main',
        ],
    },
)
