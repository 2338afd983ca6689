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
import csv
from typing import Iterable, Sequence


def write_csv(path: str, columns: Sequence[str], rows: Iterable[Sequence]):
    with open(path, "w", newline="") as file:
        writer = csv.writer(file)
        if columns:
            writer.writerow(columns)
        writer.writerows(rows)


def read_csv(path: str):
    with open(path, "r", newline="") as file:
        return list(csv.reader(file))
