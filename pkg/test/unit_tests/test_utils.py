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
import json
import logging
import os
import tempfile
import unittest
from dataclasses import dataclass
from unittest import mock
from unittest.mock import MagicMock

import yaml

from thermodmn_cli.exceptions import (
    ConvergenceError,
    IndefiniteSystemError,
    SchemaError,
    TrainingDivergedError,
)
from thermodmn_cli.utils import (
    config_digest,
    exit_on_error,
    load_document,
    progress_enabled,
    set_logging_level,
    setup_logger,
    write_json,
)


@dataclass
class Settings:
    depth: int = 2
    rate: float = 0.1


class TestUtils(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.logger = MagicMock(spec=logging.Logger)

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def test_setup_logger_adds_one_handler(self):
        logger = setup_logger("thermodmn_cli.test_setup_logger")
        setup_logger("thermodmn_cli.test_setup_logger")
        self.assertEqual(len(logger.handlers), 1)
        self.assertEqual(logger.level, logging.ERROR)

    def test_set_logging_level(self):
        logger = setup_logger("thermodmn_cli.test_set_logging_level")
        set_logging_level(logger, logging.DEBUG)
        self.assertEqual(logger.level, logging.DEBUG)
        self.assertEqual(logger.handlers[0].level, logging.DEBUG)

    def test_exit_on_error_non_convergence(self):
        for error in (
            ConvergenceError("no luck", 3, [1.0, 0.5]),
            IndefiniteSystemError("singular"),
            TrainingDivergedError("nan"),
        ):
            with self.assertRaises(SystemExit) as context:
                exit_on_error(self.logger, "run", error)
            self.assertEqual(context.exception.code, 2)
        self.logger.error.assert_called()

    def test_exit_on_error_io_and_schema(self):
        for error in (SchemaError("bad"), FileNotFoundError("missing"), yaml.YAMLError("broken")):
            with self.assertRaises(SystemExit) as context:
                exit_on_error(self.logger, "run", error)
            self.assertEqual(context.exception.code, 3)

    def test_exit_on_error_unexpected(self):
        with self.assertRaises(SystemExit) as context:
            exit_on_error(self.logger, "run the thing", KeyError("boom"))
        self.assertIsInstance(context.exception.code, str)
        self.assertIn("Unexpected error happens when trying to run the thing", context.exception.code)

    def test_progress_enabled(self):
        self.assertFalse(progress_enabled(True))
        with mock.patch("sys.stderr") as mock_stderr:
            mock_stderr.isatty.return_value = True
            self.assertTrue(progress_enabled(False))
            mock_stderr.isatty.return_value = False
            self.assertFalse(progress_enabled(False))

    def test_config_digest(self):
        digest = config_digest(Settings())
        self.assertEqual(len(digest), 64)
        self.assertEqual(digest, config_digest({"rate": 0.1, "depth": 2}))
        self.assertNotEqual(digest, config_digest(Settings(depth=3)))

    def test_load_document_json_and_yaml(self):
        write_json(self.path("document.json"), {"a": [1, 2], "b": "text"})
        self.assertEqual(load_document(self.path("document.json")), {"a": [1, 2], "b": "text"})
        with open(self.path("document.yaml"), "w") as file:
            file.write("a:\n  - 1\n  - 2\nb: text\n")
        self.assertEqual(load_document(self.path("document.yaml")), {"a": [1, 2], "b": "text"})

    def test_load_document_errors(self):
        with self.assertRaises(OSError):
            load_document(self.path("missing.json"))
        with open(self.path("broken.json"), "w") as file:
            file.write('{"a": [1, 2}')
        with self.assertRaises(SchemaError):
            load_document(self.path("broken.json"))

    def test_write_json_is_indented(self):
        write_json(self.path("out.json"), {"value": 1})
        with open(self.path("out.json")) as file:
            content = file.read()
        self.assertEqual(json.loads(content), {"value": 1})
        self.assertIn("\n    ", content)
