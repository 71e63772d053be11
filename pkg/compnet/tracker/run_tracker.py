from compnet.tracker.run_observer import RunObserver

global_data = {
        "observer": RunObserver()
}
