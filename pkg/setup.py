# -*- coding:utf-8 -*-
from setuptools import setup, find_packages

setup(name='WrapperIDS',
      version='0.1.0',
      packages=find_packages(include=['src', 'src.*']),
      install_requires=['numpy',
                        'scipy',
                        'pandas',
                        'scikit-learn>=1.2',
                        'tensorflow>=2.9'],
      extras_require={'test': ['pytest']},
      entry_points={'console_scripts': ['wrapper-ids=src.cli:main']}
      )
