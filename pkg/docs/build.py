import ast
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

ROOT_DIR = Path(__file__).parent.parent
PACKAGE_NAME = "dimsolve"
SRC_DIR = ROOT_DIR / "src" / PACKAGE_NAME
DOCS_DIR = ROOT_DIR / "docs"
API_DIR = DOCS_DIR / "api"
MKDOCS_YML = ROOT_DIR / "mkdocs.yml"
API_LABEL = "API Reference"
SETTINGS_BASES = {"YamlSettings"}

log = logging.getLogger("mkdocs")


def discover_subpackages(package_root: Path) -> List[str]:
    """Public subpackages of the package; private ``_*.py`` modules are documented through them."""
    return sorted(
        item.name
        for item in package_root.iterdir()
        if item.is_dir() and (item / "__init__.py").exists() and not item.name.startswith("_")
    )


def discover_top_level_modules(package_root: Path) -> List[str]:
    return sorted(
        item.stem for item in package_root.iterdir() if item.suffix == ".py" and not item.name.startswith("_")
    )


def _write_page(relative: str, title: str, target: str) -> None:
    page = DOCS_DIR / relative
    page.parent.mkdir(parents=True, exist_ok=True)
    page.write_text(f"# {title}\n\n::: {target}\n", encoding="utf-8")


def generate_api_structure() -> Dict[str, List[Dict[str, str]]]:
    """Writes one mkdocstrings page per public module and subpackage and returns the nav entries."""
    api_structure: Dict[str, List[Dict[str, str]]] = {}
    API_DIR.mkdir(parents=True, exist_ok=True)

    for name in discover_top_level_modules(SRC_DIR):
        relative = f"api/{name}.md"
        _write_page(relative, name, f"{PACKAGE_NAME}.{name}")
        api_structure[name] = [{name: relative}]

    for name in discover_subpackages(SRC_DIR):
        relative = f"api/{name}/{name}.md"
        _write_page(relative, name, f"{PACKAGE_NAME}.{name}")
        api_structure[name] = [{name: relative}]
    return api_structure


def update_mkdocs_yml(api_structure: Dict[str, List[Dict[str, str]]]) -> None:
    with open(MKDOCS_YML, "r", encoding="utf-8") as f:
        config: Dict[str, Any] = yaml.safe_load(f)

    nav: List[Union[str, Dict[str, Any]]] = config.get("nav", [])
    for entry in nav:
        if isinstance(entry, dict) and API_LABEL in entry:
            entry[API_LABEL] = [
                {name.replace("_", " ").title(): content} for name, content in api_structure.items()
            ]

    with open(MKDOCS_YML, "w", encoding="utf-8") as f:
        yaml.dump(config, f, sort_keys=False, default_flow_style=False)


def _yml_section(node: ast.ClassDef) -> Optional[str]:
    for item in node.body:
        if isinstance(item, ast.AnnAssign) and isinstance(item.target, ast.Name):
            if item.target.id == "__yml_section__" and isinstance(item.value, ast.Constant):
                return item.value.value
    return None


def _fields(node: ast.ClassDef) -> List[str]:
    return [
        item.target.id
        for item in node.body
        if isinstance(item, ast.AnnAssign) and isinstance(item.target, ast.Name) and not item.target.id.startswith("_")
    ]


def find_settings_classes(src_dir: Path) -> List[Tuple[str, Optional[str], List[str]]]:
    """
    Scans the sources for classes deriving from a YAML settings base.

    Returns:
        List[Tuple[str, Optional[str], List[str]]]: (class name, YAML section, field names)
    """
    found: List[Tuple[str, Optional[str], List[str]]] = []
    for py_file in src_dir.rglob("*.py"):
        try:
            tree = ast.parse(py_file.read_text(encoding="utf-8"), filename=str(py_file))
        except SyntaxError as e:
            log.warning("Failed to parse %s: %s", py_file, e)
            continue
        for node in ast.walk(tree):
            if not isinstance(node, ast.ClassDef):
                continue
            if any(isinstance(base, ast.Name) and base.id in SETTINGS_BASES for base in node.bases):
                found.append((node.name, _yml_section(node), [f for f in _fields(node) if f != "model_config"]))
    return sorted(found, key=lambda x: x[0])


def generate_settings_table() -> None:
    """Writes ``articles/settings.md`` listing every settings class with its YAML section and keys."""
    log.info("Generating settings documentation...")
    classes = find_settings_classes(SRC_DIR)
    if not classes:
        log.warning("No settings classes found.")
        return

    content = [
        "# Settings",
        "",
        "Each class reads its section of the YAML config files and the matching `DIM_*` environment variables.",
        "",
        "| Class Name | YAML Section | Keys |",
        "|------------|--------------|------|",
    ]
    for class_name, section, fields in classes:
        content.append(f"| `{class_name}` | `{section or 'None'}` | {', '.join(f'`{f}`' for f in fields)} |")

    output_path = DOCS_DIR / "articles" / "settings.md"
    output_path.parent.mkdir(exist_ok=True)
    output_path.write_text("\n".join(content) + "\n", encoding="utf-8")
    log.info("Settings documentation written to %s", output_path)


def main() -> None:
    log.info("Regenerating API documentation...")
    update_mkdocs_yml(generate_api_structure())
    generate_settings_table()
    log.info("API documentation regenerated successfully.")


if __name__ == "__main__":
    main()
