import logging
import json
from pathlib import Path
from abc import ABC, abstractmethod

log = logging.getLogger(__name__)


class BaseStorageBackend(ABC):
    """ A base storage class for instance and code documents """

    serializer = json  # The default serializer is json

    def __init__(self):
        self._document = None

    @property
    def document(self):
        """ The stored document (a json compatible dict) """
        return self._document

    @document.setter
    def document(self, value):
        if value is not None and not isinstance(value, dict):
            raise ValueError('"document" must be a dict')
        self._document = value

    @abstractmethod
    def load_document(self):
        """ Abstract method that will retrieve the document """
        raise NotImplementedError

    def get_document(self):
        """ Loads the document, stores it in the document property and returns it"""
        self.document = self.load_document()
        return self.document

    @abstractmethod
    def save_document(self):
        """ Abstract method that will save the document """
        raise NotImplementedError


class FileSystemStorageBackend(BaseStorageBackend):
    """ A storage backend based on json files on the filesystem """

    def __init__(self, path):
        """
        Init Backend
        :param str or Path path: the file where the document lives
        """
        super().__init__()
        if not isinstance(path, Path):
            path = Path(path)
        self.path = path

    def __repr__(self):
        return str(self.path)

    def load_document(self):
        """
        Retrieves the document from the File System
        :return dict: the parsed document
        :raises ValueError: if the file does not exist or is not valid json
        """
        if not self.path.exists():
            raise ValueError('File not found: {}'.format(self.path))
        with self.path.open('r') as document_file:
            try:
                document = self.serializer.load(document_file)
            except ValueError as e:
                raise ValueError('{} is not valid json: {}'.format(self.path, e)) from None
        if not isinstance(document, dict):
            raise ValueError('{} must hold a json object'.format(self.path))
        return document

    def save_document(self):
        """
        Saves the document in the specified file
        :return bool: Success / Failure
        """
        if self.document is None:
            raise ValueError('You have to set the "document" first.')

        try:
            if not self.path.parent.exists():
                self.path.parent.mkdir(parents=True)
        except OSError as e:
            log.error('Document could not be saved: {}'.format(str(e)))
            return False

        with self.path.open('w') as document_file:
            # indent makes the file human readable
            self.serializer.dump(self.document, document_file, indent=2, sort_keys=False)

        log.debug('Document written to {}'.format(self.path))
        return True


def load_json(path):
    """ Shortcut: loads a json document from path """
    return FileSystemStorageBackend(path).get_document()


def save_json(document, path):
    """ Shortcut: saves a json document to path

    :return bool: Success / Failure
    """
    backend = FileSystemStorageBackend(path)
    backend.document = document
    return backend.save_document()
