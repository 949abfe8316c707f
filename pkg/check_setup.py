# check_setup.py - vérification de l'environnement gevmiss
import importlib
import os
import sys

from dotenv import dotenv_values, load_dotenv

REQUIRED_PACKAGES = ["numpy", "scipy", "numdifftools", "pandas", "langgraph", "dotenv", "colorama"]
ENV_KEYS = ["GEVMISS_LOG_FILE", "GEVMISS_THREADS", "GEVMISS_SEED"]
SUPPORTED_MINORS = (10, 11)


def check_environment() -> bool:
    print("🔍 Vérification de l'environnement gevmiss...\n")
    ok = True

    # 1. Interpréteur
    major, minor = sys.version_info[:2]
    if major == 3 and minor in SUPPORTED_MINORS:
        print(f"✅ Python {major}.{minor}")
    else:
        print(f"❌ Python {major}.{minor} non supporté (3.10 ou 3.11 attendu)")
        ok = False

    # 2. Paquets
    for name in REQUIRED_PACKAGES:
        try:
            module = importlib.import_module(name)
            print(f"✅ {name} {getattr(module, '__version__', '')}".rstrip())
        except ImportError:
            print(f"❌ {name} manquant (pip install -r requirements.txt)")
            ok = False

    # 3. Configuration (.env optionnel)
    if os.path.exists(".env"):
        unknown = sorted(set(dotenv_values(".env")) - set(ENV_KEYS))
        if unknown:
            print(f"⚠️ Clés inconnues dans .env : {unknown}")
        load_dotenv()
    else:
        print("ℹ️ Aucun .env : valeurs par défaut (voir .env.example).")

    try:
        from src.utils.config import load_settings

        settings = load_settings()
        print(f"✅ Réglages : threads={settings.threads}, seed={settings.seed}, log={settings.log_file}")
    except (ImportError, ValueError) as e:
        print(f"❌ Réglages invalides : {e}")
        return False

    # 4. Dossier du journal d'expériences
    log_dir = os.path.dirname(settings.log_file)
    if log_dir and not os.path.isdir(log_dir):
        os.makedirs(log_dir)
        print(f"✅ Dossier {log_dir}/ créé.")

    print("\n🚀 Environnement prêt." if ok else "\n⚠️ Corrigez les erreurs ci-dessus.")
    return ok


if __name__ == "__main__":
    sys.exit(0 if check_environment() else 1)
