import { PlaygroundApp } from './app.js';

const container = document.querySelector<HTMLElement>('#app');
if (container !== null) {
  void new PlaygroundApp(container).init();
}
