# Generated by qumodel. Class Application.Logger


class Logger:
    def __init__(self):
        pass

    def log(self, message):
        # UML: +log(message: str): void
        pass
