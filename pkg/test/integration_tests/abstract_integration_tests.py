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
import shutil
import subprocess
import tempfile

from thermodmn_cli.utils import setup_logger

logger = setup_logger(__name__)


class AbstractIntegrationTests:
    """Runs the installed `thermodmn` console script inside a scratch directory."""

    workspace: str = ""

    def setup_workspace(self):
        AbstractIntegrationTests.workspace = tempfile.mkdtemp(prefix="thermodmn-integ-")
        logger.info(f"Integration workspace {self.workspace}")

    def remove_workspace(self):
        shutil.rmtree(self.workspace, ignore_errors=True)

    def path(self, name: str) -> str:
        return os.path.join(self.workspace, name)

    def _run(self, arguments):
        return subprocess.run(
            ["thermodmn"] + [str(argument) for argument in arguments],
            cwd=self.workspace,
            capture_output=True,
            text=True,
        )

    def _execute_test_command(self, arguments):
        result = self._run(arguments)
        if result.returncode != 0:
            raise RuntimeError(
                f"Failed to execute command: thermodmn {' '.join(map(str, arguments))} "
                f"(exit {result.returncode}) {result.stderr}"
            )
        return result
