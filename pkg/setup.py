# Copyright The thermodmn Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License"). You
# may not use this file except in compliance with the License. A copy of
# the License is located at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
# ANY KIND, either express or implied. See the License for the specific
# language governing permissions and limitations under the License.
from setuptools import find_packages, setup

setup(
    name="thermodmn",
    version="1.0.0",
    packages=find_packages(where="src", exclude=("test",)),
    python_requires=">=3.9",
    install_requires=[
        "click==8.1.7",
        "numpy>=1.24,<3.0",
        "omegaconf==2.3",
        "pyyaml==6.0.2",
        "scipy>=1.12",
        "tabulate==0.9.0",
        "tqdm==4.66.5",
        # Test dependencies
        "pytest==8.3.2",
        "pytest-cov==5.0.0",
        "tox==4.18.0",
        "ruff==0.6.2",
    ],
    entry_points={
        "console_scripts": [
            "thermodmn=thermodmn_cli.cli:cli",
        ],
    },
)
