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
import importlib.metadata

import click

from thermodmn_cli.commands.offline import (
    homogenize,
    sample,
    train,
)
from thermodmn_cli.commands.online import (
    bench,
    evaluate,
    validate,
)

HELP_TEXT = """
Thermomechanical deep material networks for short-fiber reinforced composites.

Offline Commands:
  * sample          Draw random pairs of anisotropic phase stiffnesses into a data set.
  * homogenize      Compute effective stiffnesses of a data set with an FFT solver on a voxel grid.
  * train           Fit network directions and weights to a homogenized data set.
Online Commands:
  * evaluate        Run a strain, mixed or cyclic load program through a trained network.
  * validate        Compare a trained network with its recursive laminate evaluation.
  * bench           Time single converged evaluations of a random network.

Usage:
  thermodmn [command] [options]

Use "thermodmn <command> --help" for more information about a given command.
"""

VERSION = importlib.metadata.version("thermodmn")


class DmnCommandGroup(click.Group):
    def format_help(self, ctx, formatter):
        click.echo(HELP_TEXT)


@click.group(cls=DmnCommandGroup)
@click.version_option(version=VERSION)
def cli():
    pass


cli.add_command(sample)
cli.add_command(homogenize)
cli.add_command(train)
cli.add_command(evaluate)
cli.add_command(validate)
cli.add_command(bench)

if __name__ == "__main__":
    cli()
