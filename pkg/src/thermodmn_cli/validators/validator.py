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
import os

from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)


class Validator:
    def __init__(self):
        return

    def validate(self):
        """
        Abstract validate method to be implemented in subclasses.
        """
        return NotImplementedError()

    def validate_file_exists(self, path: str, description: str) -> bool:
        """
        Returns:
            bool: True if `path` names an existing regular file, False otherwise.
        """
        if not path or not os.path.isfile(path):
            logger.error(f"The {description} file {path} does not exist.")
            return False
        return True

    def validate_output_path(self, path: str) -> bool:
        """
        Returns:
            bool: True if the parent directory of `path` exists, False otherwise.
        """
        directory = os.path.dirname(os.path.abspath(path))
        if not os.path.isdir(directory):
            logger.error(f"The output directory {directory} does not exist.")
            return False
        return True
