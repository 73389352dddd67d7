import os
import json

from .exceptions import ConfigurationError


class JsonSaveLoadUtils:
    """保存与加载工具类"""

    @staticmethod
    def save_dict_to_json(data_dict, file_path):
        """将字典保存为JSON文件（键排序，保证重复运行字节一致）"""
        with open(file_path, "w", encoding="utf-8", newline="\n") as json_file:
            json.dump(data_dict, json_file, ensure_ascii=False, indent=4, sort_keys=True)
            json_file.write("\n")

    @staticmethod
    def load_dict_from_json(file_path):
        """从JSON文件加载字典"""
        if not os.path.exists(file_path):
            raise ConfigurationError(f"{file_path} not found.")
        try:
            with open(file_path, "r", encoding="utf-8") as json_file:
                data_dict = json.load(json_file)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"JSON解析失败 {file_path}: {e}") from e
        if not isinstance(data_dict, dict):
            raise ConfigurationError(f"JSON顶层必须是对象: {file_path}")
        return data_dict
