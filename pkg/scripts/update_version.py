"""
Sets the package version in sigmacert/version.py and makes sure CHANGELOG.md
has a section for it.
"""

import os
import re
import argparse

root_dir = os.path.join(os.path.dirname(os.path.realpath(__file__)), os.pardir)
version_file = os.path.join(root_dir, "sigmacert", "version.py")
changelog_file = os.path.join(root_dir, "CHANGELOG.md")

parser = argparse.ArgumentParser()
parser.add_argument("--version", required=True, help="new version, e.g. 0.2.0")
args = parser.parse_args()
if not re.fullmatch(r"\d+\.\d+\.\d+", args.version):
    parser.error(f"not a version number: {args.version}")
print("using version " + args.version)

print("patching " + version_file)
with open(version_file, "r") as f:
    content = f.read()
with open(version_file, "w") as f:
    f.write(re.sub(r"__version__\s=\s\".*\"", f'__version__ = "{args.version}"', content, flags=re.M))

with open(changelog_file, "r") as f:
    changelog = f.read()
if f"## {args.version}" not in changelog:
    print("adding section to " + changelog_file)
    header, _, rest = changelog.partition("\n\n")
    with open(changelog_file, "w") as f:
        f.write(f"{header}\n\n## {args.version}\n\n- (describe changes)\n\n{rest}")
