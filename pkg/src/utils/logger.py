import json
import os
import uuid
from datetime import datetime
from enum import Enum

from src.utils.config import load_settings
from src.utils.console import status as console_status


class ActionType(str, Enum):
    """
    Énumération des types d'actions possibles pour standardiser l'analyse.
    """
    INGEST = "DATA_INGEST"          # Lecture de séries, extraction des maxima
    FIT = "MODEL_FIT"               # Estimation par maximum de vraisemblance
    INFERENCE = "INFERENCE"         # Niveaux de retour, vraisemblance profilée
    DIAGNOSTICS = "DIAGNOSTICS"     # PP/QQ/niveau de retour/densité
    INFLUENCE = "INFLUENCE"         # Fonctions d'influence
    SIMULATION = "SIMULATION"       # Études Monte Carlo
    DEBUG = "DEBUG"                 # Analyse d'erreurs d'exécution


def log_experiment(component: str, estimator: str, action: ActionType, details: dict, status: str):
    """
    Record one modelling action in the experiment log.

    Args:
        component (str): Emitting component (e.g. "CLI", "AdjustEstimator").
        estimator (str): Estimator tag involved, or "N/A".
        action (ActionType): Kind of action (use the ActionType enum).
        details (dict): Must contain 'input_summary' and 'output_summary'.
        status (str): "SUCCESS", "FAILURE" or "PARTIAL".

    Raises:
        ValueError: If required keys are missing from 'details' or the action is unknown.
    """

    # --- 1. VALIDATION DU TYPE D'ACTION ---
    valid_actions = [a.value for a in ActionType]
    if isinstance(action, ActionType):
        action_str = action.value
    elif action in valid_actions:
        action_str = action
    else:
        raise ValueError(f"❌ Action invalide : '{action}'. Utilisez la classe ActionType (ex: ActionType.FIT).")

    # --- 2. VALIDATION STRICTE DES DONNÉES ---
    required_keys = ["input_summary", "output_summary"]
    missing_keys = [key for key in required_keys if key not in details]
    if missing_keys:
        raise ValueError(
            f"❌ Erreur de Logging (Composant: {component}) : "
            f"Les champs {missing_keys} sont manquants dans le dictionnaire 'details'."
        )

    # --- 3. PRÉPARATION DE L'ENTRÉE ---
    log_file = load_settings().log_file
    log_dir = os.path.dirname(log_file)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)

    entry = {
        "id": str(uuid.uuid4()),
        "timestamp": datetime.now().isoformat(),
        "component": component,
        "estimator": estimator,
        "action": action_str,
        "details": details,
        "status": status
    }

    # --- 4. LECTURE & ÉCRITURE ROBUSTE ---
    data = []
    if os.path.exists(log_file):
        try:
            with open(log_file, 'r', encoding='utf-8') as f:
                content = f.read().strip()
                if content:
                    data = json.loads(content)
        except json.JSONDecodeError:
            console_status(f"Attention : Le fichier de logs {log_file} était corrompu. Une nouvelle liste a été créée.", "warn")
            data = []

    data.append(entry)

    with open(log_file, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=4, ensure_ascii=False, default=str)
