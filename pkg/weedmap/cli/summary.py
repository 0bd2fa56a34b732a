# summary.py
# MIT License 2026
import click

from weedmap.cli.utils import (exit_on_error, install_logger,
                               log_level_option, write_text)
from weedmap.eval.summary import (SUMMARY_FORMATS, class_counts_by_orchard,
                                  render_summary)
from weedmap.io.observations import read_manifest


@click.command()
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False))
@click.option("-f", "--format", "fmt", type=click.Choice(SUMMARY_FORMATS), default="text", show_default=True, help="Output format")
@click.option("-o", "--output", type=str, default=None, help="File where the table is written [default: standard output]")
@log_level_option
@exit_on_error
def cmd_summary(manifest, fmt, output, log_level):
    """Count the weed management practices of every orchard type in the parcel manifest MANIFEST."""
    install_logger(log_level)
    table = render_summary(class_counts_by_orchard(read_manifest(manifest)), fmt)
    if output is None:
        click.echo(table, nl=False)
    else:
        write_text(output, table)
