"""
Main entry point for the presorted geometry engine.

Usage:
  python main.py gen --family random --n 1000 --seed 1 --out points.txt
  python main.py build --structure quadtree --input points.txt --out tree.txt
  python main.py verify --structure quadtree --input tree.txt --points points.txt --cross-check
  python main.py bench --structure quadtree --min-exp 10 --max-exp 14 --reps 20 --out bench.csv
  python main.py hardness --family onion --n 12
"""
from cli import cli

if __name__ == "__main__":
    cli()
