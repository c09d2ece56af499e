"""Write a few presheaf and n-category files for trying the CLI."""
import argparse
import io
import pathlib

from thetaspace import cli

EXAMPLES = {
    "spine2.json": ["export", "--presheaf", "spine:2", "--window", "3"],
    "full2.json": ["export", "--presheaf", "full:2", "--window", "3"],
    "cell2.json": ["export", "--presheaf", "O:2", "--level", "2", "--window", "3"],
    "chaotic2.ncat.json": ["export", "--ncat", "chaotic:2"],
    "chain2.ncat.json": ["export", "--ncat", "chain:2"],
    "free2cell.ncat.json": ["export", "--ncat", "tau:[1]([1](.))"],
    "manifest.json": ["export"],
}


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("outdir", type=pathlib.Path)
    args = p.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, argv in EXAMPLES.items():
        buf = io.StringIO()
        if cli.main(argv, out=buf) != 0:
            raise SystemExit(f"export failed for {name}")
        (args.outdir / name).write_text(buf.getvalue())
        print(args.outdir / name)


if __name__ == "__main__":
    main()
