# Services
from dsmlab.services.campaign import CampaignReport, RunResult, run_campaign, run_one
from dsmlab.services.config_loader import load_run_config
from dsmlab.services.history_io import read_history, read_message_log, read_meta, save_trace, write_history
from dsmlab.services.report_exporter import ReportExporter
from dsmlab.services.stats import RoundStats, compute_stats
