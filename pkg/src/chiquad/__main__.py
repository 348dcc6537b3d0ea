from chiquad.cli import run

run()
