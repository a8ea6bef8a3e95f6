import sys

from app import create_app

app = create_app()

if __name__ == "__main__":
    # ANTIROTOR_* variables or a .env file adjust the defaults
    sys.exit(app.run(sys.argv[1:]))
