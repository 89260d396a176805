"""
Tests for reading and writing codes and certificates as JSON.
"""
import json
import sys
import tempfile
import unittest
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1]))

from mrdkit.utils import data_loader, gabidulin, selfdual
from mrdkit.utils.errors import BadFile
from mrdkit.utils.ffield import field_ctx_new


class TestDataLoader(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.gctx = gabidulin.gab_ctx_new(field_ctx_new(3, 1, 2))
        cls.code = gabidulin.gab_code(cls.gctx, 1)
        cls.cert = selfdual.gabisd_selfdualize(cls.gctx)

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_code_file(self):
        path = self.dir / "nested" / "code.json"
        data_loader.save_code(self.code, path)
        self.assertTrue(path.exists())
        loaded = data_loader.load_code(path)
        self.assertEqual(loaded, self.code)
        self.assertEqual(loaded.ctx, self.code.ctx)

    def test_code_document(self):
        document = data_loader.code_to_dict(self.code)
        self.assertEqual(document["ctx"]["ext_poly"], [1, 0, 1])
        self.assertEqual(len(document["generators"]), 2)
        self.assertEqual(document["generators"][0]["m"], 2)

    def test_certificate_file(self):
        path = self.dir / "certificate.json"
        data_loader.save_certificate(self.cert, path)
        loaded = data_loader.load_certificate(path)
        self.assertEqual(loaded.params, self.cert.params)
        self.assertEqual(loaded.A_sym.tolist(), self.cert.A_sym.tolist())
        self.assertEqual(loaded.code, self.cert.code)
        self.assertTrue(all(selfdual.verify_certificate(loaded).values()))

    def test_output_is_stable(self):
        first, second = self.dir / "a.json", self.dir / "b.json"
        data_loader.save_certificate(self.cert, first)
        data_loader.save_certificate(self.cert, second)
        self.assertEqual(first.read_text(), second.read_text())

    def test_invalid_json(self):
        path = self.dir / "broken.json"
        path.write_text("{not json")
        with self.assertRaises(BadFile):
            data_loader.load_code(path)

    def test_missing_field(self):
        document = data_loader.code_to_dict(self.code)
        del document["generators"]
        with self.assertRaises(BadFile):
            data_loader.code_from_dict(document)

    def test_entry_out_of_range(self):
        document = data_loader.code_to_dict(self.code)
        document["generators"][0]["entries"][0][0] = 3
        with self.assertRaises(BadFile):
            data_loader.code_from_dict(document)

    def test_shape_disagreement(self):
        document = data_loader.code_to_dict(self.code)
        document["generators"][0]["m"] = 3
        with self.assertRaises(BadFile):
            data_loader.code_from_dict(document)

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            data_loader.load_json(self.dir / "absent.json")

    def test_saved_keys_sorted(self):
        path = self.dir / "sorted.json"
        data_loader.save_json({"b": 1, "a": 2}, path)
        text = path.read_text()
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertEqual(json.loads(text), {"a": 2, "b": 1})


if __name__ == "__main__":
    unittest.main()
