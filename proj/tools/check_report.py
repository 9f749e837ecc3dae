#!/usr/bin/env python3
"""Validate report.json files against docs/report.schema.json.

Also checks that every verdict's evidence pointer resolves inside the
report and that the top-level pass flag matches the verdicts.
"""
import argparse
import json
import sys

import jsonschema


def resolve(doc, pointer):
    node = doc
    for raw in pointer.split("/")[1:]:
        key = raw.replace("~1", "/").replace("~0", "~")
        if isinstance(node, list):
            node = node[int(key)]
        else:
            node = node[key]
    return node


def check(path, schema):
    with open(path) as f:
        report = json.load(f)
    errors = [f"{path}: {e.message} at /{'/'.join(map(str, e.absolute_path))}"
              for e in jsonschema.Draft202012Validator(schema).iter_errors(report)]
    for v in report.get("verdicts", []):
        try:
            resolve(report, v["evidence"])
        except (KeyError, IndexError, ValueError, TypeError):
            errors.append(f"{path}: evidence {v['evidence']} of '{v['name']}' does not resolve")
    if report.get("pass") != all(v["pass"] for v in report.get("verdicts", [])):
        errors.append(f"{path}: pass flag disagrees with verdicts")
    return errors


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--schema", required=True)
    ap.add_argument("reports", nargs="+")
    args = ap.parse_args()
    with open(args.schema) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    errors = []
    for p in args.reports:
        errors += check(p, schema)
    for e in errors:
        print(e)
    print(f"{len(args.reports)} reports, {len(errors)} problems")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
