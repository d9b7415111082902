# Copyright 2021 The repeaterlab authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
repeaterlab python setuptools module.

See:
https://packaging.python.org/en/latest/distributing.html
https://github.com/pypa/sampleproject
"""

# Always prefer setuptools over distutils
import setuptools
import os

VERSION = '0.1.0'  # CHANGE THIS VERSION!
MYPATH = os.path.abspath(os.path.dirname(__file__))


def update_version_py():
    path = os.path.join(MYPATH, 'repeaterlab', 'version.py')
    with open(path, 'wt') as fv:
        fv.write('# AUTOMATICALLY GENERATED BY setup.py\n')
        fv.write(f'VERSION = "{VERSION}"\n')

update_version_py()


# Get the long description from the README file
with open(os.path.join(MYPATH, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()


setuptools.setup(
    name='repeaterlab',
    version=VERSION,
    description='Rate analysis of time-multiplexed quantum repeater chains',
    long_description=long_description,
    long_description_content_type='text/markdown',
    author='The repeaterlab authors',
    license='Apache',

    # Classifiers help users find your project by categorizing it.
    #
    # For a list of valid classifiers, see https://pypi.org/classifiers/
    classifiers=[  # Optional
        'Development Status :: 3 - Alpha',

        # Indicate who your project is intended for
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',

        # Pick your license as you wish
        'License :: OSI Approved :: Apache Software License',

        # Supported Python versions
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
    ],

    keywords='quantum repeater multiplexing entanglement rate',

    packages=setuptools.find_packages(exclude=['native', 'docs', 'test', 'dist', 'build', 'examples']),

    # See https://packaging.python.org/guides/distributing-packages-using-setuptools/#python-requires
    python_requires='~=3.7',

    # See https://packaging.python.org/en/latest/requirements.html
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.4',
    ],

    extras_require={
        'dev': ['check-manifest', 'coverage', 'wheel'],
    },

    entry_points={
        'console_scripts': [
            'repeaterlab=repeaterlab.command.runner:run',
        ],
    },
)
