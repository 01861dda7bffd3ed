# -*- coding: utf-8 -*-
import os

from setuptools import find_packages
from setuptools import setup

with open(os.path.join(os.path.dirname(__file__), 'README.md')) as readme:
    README = readme.read()

# allow setup.py to be run from any path
os.chdir(os.path.normpath(os.path.join(os.path.abspath(__file__), os.pardir)))

setup(
    name='splinecraft',
    version='0.1.0',
    author=u'Splinecraft developers',
    packages=find_packages(),
    py_modules=['manage'],
    include_package_data=True,
    license='GPL license, see LICENSE',
    description='Spline curve and surface reconstruction toolkit.',
    long_description=README,
    long_description_content_type='text/markdown',
    zip_safe=False,
    keywords='b-spline fitting reconstruction chamfer hungarian autodiff',
    python_requires='>=3.9',
    install_requires=[
        'Django>=3.2',
        'numpy>=1.22',
        'scipy>=1.8',
        'pandas>=1.3',
        'Pillow>=9.0',
        'tqdm>=4.60',
        'trimesh>=3.9',
    ],
    entry_points={
        'console_scripts': ['splinecraft = splinecraft.cli:main'],
    },
    classifiers=[
        'Environment :: Console',
        'Framework :: Django',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License (GPL)',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
