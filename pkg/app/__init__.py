__version__ = "0.4.0"

from typing import Sequence

from dotenv import load_dotenv
load_dotenv()

from .config import Settings
from .cli import VerbBlueprint, cli_bp


class AntirotorApp:
    """
    Minimal command-line application: one blueprint of verbs plus settings.
    """

    def __init__(self, settings: Settings) -> None:
        self.settings = settings
        self.blueprint: VerbBlueprint = None  # type: ignore[assignment]

    def register_blueprint(self, bp: VerbBlueprint) -> None:
        self.blueprint = bp

    def run(self, argv: Sequence[str]) -> int:
        return self.blueprint.dispatch(argv)


def create_app() -> AntirotorApp:
    """
    Application factory.
    """

    app = AntirotorApp(Settings())

    # verbs
    app.register_blueprint(cli_bp)

    return app
