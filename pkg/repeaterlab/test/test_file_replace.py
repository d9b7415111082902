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

import io
import os
import sys
import tempfile
import unittest
from unittest import mock
from repeaterlab.file_replace import FileReplace, write_text


class TestFileReplace(unittest.TestCase):

    def setUp(self):
        f = tempfile.NamedTemporaryFile(suffix='.csv', delete=False)
        f.close()
        self._path = f.name

    def tearDown(self) -> None:
        if os.path.isfile(self._path):
            os.remove(self._path)

    def confirm(self, contents):
        with open(self._path, 'rt', encoding='utf-8') as f:
            d = f.read()
        self.assertEqual(contents, d)

    def test_does_not_exist(self):
        os.remove(self._path)
        with FileReplace(self._path, mode='wt') as f:
            f.write('length_km,rate\n')
        self.confirm('length_km,rate\n')

    def test_file_exists(self):
        with FileReplace(self._path) as f:
            f.write('hello')
        self.confirm('hello')

    def test_exception_during_replace(self):
        with open(self._path, 'wt', encoding='utf-8') as f:
            f.write('original')
        with self.assertRaises(RuntimeError):
            with FileReplace(self._path, mode='wt') as f:
                f.write('hello')
                raise RuntimeError('doh')
        self.confirm('original')
        self.assertEqual([os.path.basename(self._path)],
                         [x for x in os.listdir(os.path.dirname(self._path))
                          if x.startswith(os.path.splitext(os.path.basename(self._path))[0])])

    def test_abort(self):
        r = FileReplace(self._path)
        f = r.open()
        f.write('partial')
        r.abort()
        self.confirm('')
        self.assertEqual(os.path.abspath(self._path), r.filename)

    def test_newlines(self):
        with FileReplace(self._path) as f:
            f.write('a\nb\n')
        with open(self._path, 'rb') as f:
            self.assertEqual(b'a\nb\n', f.read())

    def test_file_open(self):
        if sys.platform.startswith('win'):
            # windows has file locking by default
            with self.assertRaises(PermissionError):
                with open(self._path, 'wt', encoding='utf-8') as f1:
                    f1.write('original')
                    with FileReplace(self._path, mode='wt') as f2:
                        f2.write('hello')
            self.confirm('original')


class TestWriteText(unittest.TestCase):

    def test_file(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'out.json')
            write_text(path, '{}\n')
            with open(path, 'rt', encoding='utf-8') as f:
                self.assertEqual('{}\n', f.read())

    def test_stdout(self):
        for path in [None, '-']:
            with mock.patch('sys.stdout', new_callable=io.StringIO) as out:
                write_text(path, 'rate: 1\n')
            self.assertEqual('rate: 1\n', out.getvalue())
