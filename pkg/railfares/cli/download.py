# railfares/cli/download.py
"""`railfares download`: fetch configured inputs and record a manifest."""

from __future__ import annotations

import argparse
from pathlib import Path

from railfares.cli.common import RunConfig, SubParsers
from railfares.config import Settings, get_settings
from railfares.errors import EXIT_DATA, EXIT_OK
from railfares.feed.download import (
    download_inputs,
    load_manifest,
    parse_download_config,
    write_manifest,
)


def add_subparser(sub: SubParsers, settings: Settings) -> None:
    parser = sub.add_parser(
        "download",
        help="fetch input files listed in a download config",
        description=(
            "Fetch every `name,url,destination,expected_hash` row. Files whose hash already "
            "matches are skipped; one failed source does not stop the others."
        ),
    )
    parser.add_argument("--config", required=True, help="download config file")
    parser.add_argument(
        "--manifest", default=None, help="manifest JSON (default: manifest.json beside --config)"
    )
    parser.set_defaults(func=run, needs_feed=False)


def run(args: argparse.Namespace, cfg: RunConfig) -> int:
    config_path = Path(args.config).expanduser().resolve()
    manifest_path = (
        Path(args.manifest).expanduser().resolve()
        if args.manifest
        else config_path.with_name("manifest.json")
    )
    config = parse_download_config(config_path)
    manifest = download_inputs(
        config, previous=load_manifest(manifest_path), settings=get_settings()
    )
    write_manifest(manifest_path, manifest)
    for entry in manifest.entries:
        print(f"{entry.status.value} {entry.name}")
    return EXIT_OK if manifest.ok else EXIT_DATA
